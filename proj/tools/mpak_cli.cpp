// Placeholder entry point; subcommands land with the service layer.
#include <cstdio>

int main() {
    std::puts("mpak: no subcommand given");
    return 2;
}
