#include "cli.hpp"

int main(int argc, char** argv) { return dowker::cli::run(argc, argv, std::cout, std::cerr); }
