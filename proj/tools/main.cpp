#include "alg/cli.hpp"

int main(int argc, char** argv) { return alg::cli::run(argc, argv); }
