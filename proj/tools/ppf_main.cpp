#include "pointpair/cli.hpp"

int main(int argc, char** argv) { return pointpair::cli::main(argc, argv); }
