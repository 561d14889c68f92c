#include "djc/cli.hpp"

int main(int argc, char** argv) { return djc::cli_main(argc, argv); }
