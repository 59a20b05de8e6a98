#include "biorw/fixtures.hpp"

#include <cstdlib>

#ifndef BIORW_FIXTURES_DIR
#define BIORW_FIXTURES_DIR "fixtures"
#endif

namespace biorw {

const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> all = {
        {"phosphoglucose", "classes/enzymes.bclass", "models/phosphoglucose.bmodel",
         "golden/phosphoglucose.expanded"},
        {"lactase-glhyd", "classes/enzymes.bclass", "models/lactase-glhyd.bmodel",
         "golden/lactase-glhyd.expanded"},
        {"michaelis-menten", "classes/kinetics.bclass", "models/michaelis-menten.bmodel",
         "golden/michaelis-menten.expanded"},
        {"two-substrate", "classes/kinetics.bclass", "models/two-substrate.bmodel",
         "golden/two-substrate.expanded"},
        {"competitive-inhibition", "classes/kinetics.bclass",
         "models/competitive-inhibition.bmodel", "golden/competitive-inhibition.expanded"},
        {"aquaporin-cls", "classes/porins-cls.bclass", "models/aquaporin-cls.bmodel",
         "golden/aquaporin-cls.expanded"},
        {"aquaporin-psys", "classes/porins-psys.bclass", "models/aquaporin-psys.bmodel",
         "golden/aquaporin-psys.expanded"},
        {"aquaporin-psys-sim", "classes/porins-psys.bclass", "models/aquaporin-psys-sim.bmodel",
         "golden/aquaporin-psys-sim.expanded"},
    };
    return all;
}

const Fixture* find_fixture(const std::string& name) {
    for (const auto& f : fixtures())
        if (f.name == name) return &f;
    return nullptr;
}

std::string fixtures_root() {
    if (const char* env = std::getenv("BIORW_FIXTURES_DIR")) return env;
    return BIORW_FIXTURES_DIR;
}

} // namespace biorw
