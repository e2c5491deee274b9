#include <iostream>

#include "stokes/cli.hpp"

int main(int argc, char** argv)
{
    return stokes::parse_and_dispatch(argc, argv, std::cout, std::cerr);
}
