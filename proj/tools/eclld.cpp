#include "eclld/cli.hpp"

int main(int argc, char** argv) { return eclld::cli::run(argc, argv); }
