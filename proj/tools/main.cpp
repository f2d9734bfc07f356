#include "cli.hpp"

int main(int argc, char** argv) { return cfkit::cli::run(argc, argv); }
