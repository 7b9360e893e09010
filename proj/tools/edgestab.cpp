#include <iostream>

#include "edgestab/cli.hpp"

int main(int argc, char** argv) { return edgestab::run(argc, argv, std::cout, std::cerr); }
