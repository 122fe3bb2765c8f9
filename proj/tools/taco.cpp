#include "app.hpp"

int main(int argc, char** argv) { return taco::cli::main_entry(argc, argv); }
