#include "fracsde/cli_app.hpp"

int main(int argc, char** argv) { return fracsde::cli::run(argc, argv); }
