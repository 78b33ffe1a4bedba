#include "cli.hpp"

#include <iostream>

auto main(int argc, char ** argv) -> int
{
    return fgsolve::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
