#include "vofrac/cli_app.hpp"

int main(int argc, char** argv) { return vofrac::cli::run(argc, argv); }
