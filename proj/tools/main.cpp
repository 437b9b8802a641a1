#include <iostream>

#include "mpc/cli/commands.hpp"

int main(int argc, char** argv) { return mpc::cli::run_cli(argc, argv, std::cout, std::cerr); }
