#include "cli.hpp"

int main(int argc, char** argv) { return apmeas::cli::run(argc, argv); }
