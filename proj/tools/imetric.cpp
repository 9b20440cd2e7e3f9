#include "imetric/cli.hpp"

int main(int argc, char** argv) { return imetric::cli::run(argc, argv); }
