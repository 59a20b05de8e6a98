#pragma once

#include <string>
#include <vector>

namespace biorw {

/// One shipped example: class library + model, with the golden expanded
/// form stored alongside. Paths are relative to fixtures_root().
struct Fixture {
    std::string name;
    std::string classfile;
    std::string modelfile;
    std::string golden;
};

const std::vector<Fixture>& fixtures();
const Fixture* find_fixture(const std::string& name);

/// BIORW_FIXTURES_DIR env var when set, else the build-time default.
std::string fixtures_root();

} // namespace biorw
