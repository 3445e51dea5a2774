#include "miyazawa/report.hpp"

int main(int argc, char** argv) {
    return miyazawa::cli_main(argc, argv);
}
