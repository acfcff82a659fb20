#include "kfix/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return kfix::cli::main_entry(argc, argv, std::cout, std::cerr);
}
