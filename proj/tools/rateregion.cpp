// SPDX-License-Identifier: Apache-2.0

#include "rateregion/cli.hpp"

#include <iostream>

int main(int argc, char **argv)
{
    return rateregion::cli::main_entry(argc, argv, std::cin, std::cout, std::cerr);
}
