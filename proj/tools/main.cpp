#include "cli.hpp"

int main(int argc, char** argv) { return dqmax::run_cli(argc, argv); }
