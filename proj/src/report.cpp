#include "floer/report.hpp"

#include <ostream>

namespace floer {

void CheckList::add(const std::string& name, bool pass) { items_.push_back({name, pass}); }

bool CheckList::all_ok() const {
    for (const auto& i : items_)
        if (!i.pass) return false;
    return true;
}

void CheckList::print_trailer(std::ostream& os) const {
    for (const auto& i : items_) os << "CHECK " << i.name << (i.pass ? " PASS" : " FAIL") << "\n";
}

std::string pad_left(const std::string& s, std::size_t width) {
    if (s.size() >= width) return s;
    return std::string(width - s.size(), ' ') + s;
}

} // namespace floer
