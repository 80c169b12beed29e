#include "dqs/cli.hpp"

int main(int argc, char** argv) { return dqs::cli::main(argc, argv); }
