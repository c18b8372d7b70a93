#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return ghom::cli::run(argc, argv, std::cout); }
