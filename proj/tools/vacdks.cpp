#include <iostream>

#include "vacdks/cli.hpp"

int main(int argc, char** argv) { return vacdks::run_cli(argc, argv, std::cout, std::cerr); }
