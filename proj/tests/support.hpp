#pragma once

#include "autosg/util.hpp"

#include <filesystem>
#include <random>
#include <string>

namespace testsup {

inline std::filesystem::path fixture_dir()
{
    return std::filesystem::path(AUTOSG_FIXTURE_DIR);
}

inline std::string fixture_text(const std::string& name)
{
    return autosg::read_file(fixture_dir() / name);
}

/// Fresh scratch directory under the build tree, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag)
    {
        std::mt19937_64 rng(std::random_device{}());
        path_ = std::filesystem::temp_directory_path() /
                ("autosg-test-" + tag + "-" + std::to_string(rng()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace testsup
