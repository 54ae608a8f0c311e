#include "hltag/cli.hpp"

int main(int argc, char** argv) { return hltag::cli::run(argc, argv); }
