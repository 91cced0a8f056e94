#include "cli_app.hpp"

int main(int argc, char** argv) { return qchihara::cli::run(argc, argv); }
