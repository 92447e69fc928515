#include <iostream>

#include "homtcp/cli/commands.hpp"

int main(int argc, char** argv) { return homtcp::cli::run_cli(argc, argv, std::cout, std::cerr); }
