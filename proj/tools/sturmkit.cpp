#include <iostream>

#include "sturmkit/cli.hpp"

int main(int argc, char** argv) { return sturmkit::cli::run(argc, argv, std::cout, std::cerr); }
