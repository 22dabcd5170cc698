#include "jlq_cli/app.hpp"

#include <iostream>

int main(int argc, char** argv) { return jlq::cli::run(argc, argv, std::cout, std::cerr); }
