#include "zml/cli.hpp"

int main(int argc, char** argv) {
    return zml::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
