#include "wavelab/cli.hpp"

int main(int argc, char** argv) { return wavelab::cli::run_main(argc, argv); }
