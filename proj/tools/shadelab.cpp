#include <iostream>

#include "shadelab/cli/app.hpp"

int main(int argc, char** argv) { return shadelab::cli::run(argc, argv, std::cout, std::cerr); }
