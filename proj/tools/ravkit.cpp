#include "ravkit/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return ravkit::cli::run(argc, argv, std::cout, std::cerr);
}
