#include "cli.hpp"

int main(int argc, char** argv) { return fts::cli::main_entry(argc, argv); }
