#include <iostream>

#include "pathtrack/cli/cli.hpp"

int main(int argc, char** argv)
{
    return pathtrack::cli::run(argc, argv, std::cout, std::cerr);
}
