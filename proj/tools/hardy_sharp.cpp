#include <iostream>

#include "hardy/cli.hpp"

int main(int argc, char** argv)
{
    std::ios::sync_with_stdio(false);
    return hardy::cli::run(argc, argv, std::cout, std::cerr);
}
