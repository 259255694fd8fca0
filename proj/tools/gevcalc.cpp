#include "gevcalc/cli.hpp"

int main(int argc, char** argv) { return gevcalc::cli::run(argc, argv); }
