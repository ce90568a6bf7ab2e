#include <iostream>

#include "entigraph/cli/cli.hpp"

int main(int argc, char** argv) { return entigraph::cli::run(argc, argv, std::cout, std::cerr); }
