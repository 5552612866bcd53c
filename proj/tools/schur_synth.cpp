#include "schur/cli.hpp"

int main(int argc, char** argv) { return schur::cli::run(argc, argv); }
