#include "namemine/testing/fixtures.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <stdexcept>

#include "namemine/process.hpp"

namespace namemine::testing {

namespace fs = std::filesystem;

TempDir::TempDir(std::string_view prefix) {
    std::string pattern = (fs::temp_directory_path() / (std::string(prefix) + "-XXXXXX")).string();
    if (::mkdtemp(pattern.data()) == nullptr) throw std::runtime_error("mkdtemp failed for " + pattern);
    path_ = pattern;
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

FixtureRepo::FixtureRepo(fs::path dir, std::string branch) : root_(std::move(dir)), branch_(std::move(branch)) {
    fs::create_directories(root_);
    git({"init", "-q", "-b", branch_});
}

std::string FixtureRepo::git(const std::vector<std::string>& args, std::int64_t time) const {
    const std::string date = "@" + std::to_string(time) + " +0000";
    const std::map<std::string, std::string> env = {
        {"GIT_AUTHOR_NAME", "Fixture Author"},  {"GIT_AUTHOR_EMAIL", "author@example.com"},
        {"GIT_AUTHOR_DATE", date},              {"GIT_COMMITTER_NAME", "Fixture Author"},
        {"GIT_COMMITTER_EMAIL", "author@example.com"}, {"GIT_COMMITTER_DATE", date},
        {"GIT_CONFIG_NOSYSTEM", "1"},           {"GIT_CONFIG_GLOBAL", "/dev/null"},
        {"LC_ALL", "C"},
    };
    std::vector<std::string> argv = {"git", "-c", "commit.gpgsign=false", "-c", "core.autocrlf=false",
                                     "-c", "core.fileMode=false", "-C", root_.string()};
    argv.insert(argv.end(), args.begin(), args.end());
    auto result = run_process(argv, env);
    if (result.exit_code != 0) {
        std::string cmd;
        for (const auto& a : args) cmd += " " + a;
        throw std::runtime_error("git" + cmd + " failed: " + result.err);
    }
    return result.out;
}

void FixtureRepo::write(const std::string& path, std::string_view content) {
    const fs::path file = root_ / path;
    fs::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + file.string());
}

void FixtureRepo::remove(const std::string& path) { fs::remove(root_ / path); }

void FixtureRepo::move(const std::string& from, const std::string& to) {
    fs::create_directories((root_ / to).parent_path());
    fs::rename(root_ / from, root_ / to);
}

std::string FixtureRepo::commit(const std::string& message) {
    const std::int64_t time = kEpoch + 3600 * static_cast<std::int64_t>(commits_);
    git({"add", "-A"});
    git({"commit", "-q", "--allow-empty", "--no-verify", "-m", message}, time);
    ++commits_;
    auto sha = git({"rev-parse", "HEAD"});
    while (!sha.empty() && (sha.back() == '\n' || sha.back() == '\r')) sha.pop_back();
    return sha;
}

std::string FixtureRepo::run(const std::vector<std::string>& args, bool commits) {
    const std::int64_t time = kEpoch + 3600 * static_cast<std::int64_t>(commits_);
    auto out = git(args, time);
    if (commits) ++commits_;
    return out;
}

}  // namespace namemine::testing
