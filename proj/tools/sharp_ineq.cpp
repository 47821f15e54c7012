#include "sharp/cli.hpp"

int main(int argc, char** argv) { return sharp::run_cli(argc, argv); }
