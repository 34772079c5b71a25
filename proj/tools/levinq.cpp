#include <iostream>

#include "levinq/cli.hpp"

int main(int argc, char** argv)
{
    return levinq::run_cli(argc, argv, std::cout, std::cerr);
}
