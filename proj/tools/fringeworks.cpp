#include "fringe/cli.hpp"

int main(int argc, char** argv) { return fringe::run_cli(argc, argv); }
