#include <iostream>

#include "ambientkit/cli.hpp"

int main(int argc, char** argv)
{
    return ambientkit::dispatch(argc, argv, std::cout, std::cerr);
}
