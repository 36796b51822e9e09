#include <iostream>

#include "geoswim/io/commands.hpp"

int main(int argc, char** argv) { return geoswim::io::run_cli(argc, argv, std::cout, std::cerr); }
