#include <iostream>

#include "brpqkd/cli.h"

int main(int argc, char** argv) { return brpqkd::run_cli(argc, argv, std::cout, std::cerr); }
