#include <cstdio>

int main()
{
    std::puts("fovtool: subcommands not wired up yet");
    return 2;
}
