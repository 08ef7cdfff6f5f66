#include "gdl/cli.hpp"

int main(int argc, char** argv) { return gdl::cli::main_entry(argc, argv); }
