#include "lrmp/harness.hpp"

int main(int argc, char** argv) { return lrmp::cli_run(argc, argv); }
