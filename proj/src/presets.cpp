#include "qlth/presets.hpp"

namespace qlth {

std::optional<Preset> find_preset(const std::string &dataset, Family family) {
    if (dataset == "iris2") {
        switch (family) {
        case Family::Bvqc:
            return Preset{0.0061690543775444456, 0.00011451748647630793, 10,
                          false, 1.7834073464102067};
        case Family::Mvqc:
            return Preset{0.14046032832955133, 0.0002004341948131265, 15, false,
                          0.34099999999999997};
        case Family::Snn:
            return Preset{0.018975394132933525, 0.0003795868684963181, 0, false,
                          0.0};
        }
    } else if (dataset == "iris") {
        switch (family) {
        case Family::Mvqc:
            return Preset{0.027667465613327877, 0.00014188599748059832, 16,
                          false, 0.997};
        case Family::Snn:
            return Preset{0.041287606449925456, 0.000114582943114774, 0, false,
                          0.0};
        default:
            return std::nullopt;
        }
    } else if (dataset == "wine2") {
        switch (family) {
        case Family::Bvqc:
            return Preset{0.034116351302152584, 0.0004883276632230364, 14,
                          false, 0.7665926535897931};
        case Family::Mvqc:
            return Preset{0.04693603770646666, 0.00017400041959447874, 9, false,
                          0.13840734641020713};
        case Family::Snn:
            return Preset{0.0012576386169755418, 0.0007737550251708995, 0,
                          false, 0.0};
        }
    } else if (dataset == "wine") {
        switch (family) {
        case Family::Mvqc:
            return Preset{0.05629217353567388, 0.00033968499286871637, 16,
                          false, 0.353};
        case Family::Snn:
            return Preset{0.05744528221412398, 0.00010743993876395757, 0, false,
                          0.0};
        default:
            return std::nullopt;
        }
    }
    return std::nullopt;
}

} // namespace qlth
