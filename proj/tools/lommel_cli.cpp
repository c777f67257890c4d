#include "lommel/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return lommel::run_cli(argc, argv, std::cout, std::cerr);
}
