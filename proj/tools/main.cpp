#include "cli_app.hpp"

int main(int argc, char** argv) {
    return flatcurve::cli::app_main(argc, argv);
}
