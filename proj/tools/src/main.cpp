#include "cli.hpp"

int main(int argc, char** argv) { return symprod::cli::run({argv, argv + argc}); }
