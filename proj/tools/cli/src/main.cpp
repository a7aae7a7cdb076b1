#include <iostream>

#include "pneumo_cli/commands.hpp"

int main(int argc, char** argv) {
    return pneumo::cli::run_cli(argc, argv, std::cout, std::cerr);
}
