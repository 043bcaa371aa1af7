#include "tsub/cli.hpp"

int main(int argc, char** argv) { return tsub::cli::run(argc, argv); }
