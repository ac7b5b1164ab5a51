#pragma once

#include <iosfwd>
#include <sstream>
#include <string>
#include <vector>

#include "floer/homology.hpp"
#include "floer/rings.hpp"

namespace floer {

// Named pass/fail results with the machine-readable trailer emitted by the
// CLI: one "CHECK <name> PASS|FAIL" line per item, in insertion order.
class CheckList {
public:
    void add(const std::string& name, bool pass);
    bool all_ok() const;
    void print_trailer(std::ostream& os) const;
    std::size_t size() const { return items_.size(); }

private:
    struct Item {
        std::string name;
        bool pass;
    };
    std::vector<Item> items_;
};

std::string pad_left(const std::string& s, std::size_t width);

template <Ring R>
std::string format_homology_table(const HomologyReport<R>& report, const std::string& label) {
    std::ostringstream os;
    os << label << "\n";
    os << "  degree  rank  torsion\n";
    bool any = false;
    for (const auto& [d, h] : report) {
        if (h.trivial()) continue;
        any = true;
        std::string tor;
        for (std::size_t i = 0; i < h.torsion.size(); ++i) {
            if (i) tor += ", ";
            tor += h.torsion[i].to_string();
        }
        if (tor.empty()) tor = "-";
        os << pad_left(std::to_string(d), 8) << pad_left(std::to_string(h.rank), 6) << "  " << tor
           << "\n";
    }
    if (!any) os << "  (trivial)\n";
    return os.str();
}

} // namespace floer
