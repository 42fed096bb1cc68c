#include "wgrate/cli.hpp"

int main(int argc, char** argv) { return wgrate::cli::run(argc, argv); }
