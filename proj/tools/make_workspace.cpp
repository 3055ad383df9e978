// Writes the synthetic three-project workspace used by the end-to-end tests.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "namemine/testing/workspace.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Create the synthetic fixture workspace"};
    std::filesystem::path dir;
    bool force = false;
    app.add_option("dir", dir, "Target directory (must not exist unless --force)")->required();
    app.add_flag("--force", force, "Replace an existing directory");
    CLI11_PARSE(app, argc, argv);

    if (std::filesystem::exists(dir)) {
        if (!force) {
            std::cerr << dir.string() << " exists; pass --force to replace it\n";
            return 1;
        }
        std::filesystem::remove_all(dir);
    }
    try {
        namemine::testing::make_workspace(dir);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    for (const auto& layout : namemine::testing::workspace_layouts()) std::cout << (dir / layout.name).string() << "\n";
    return 0;
}
