#include "motex/grading.hpp"

#include <ostream>
#include <sstream>

namespace motex {

std::string Bidegree::str() const {
    std::ostringstream os;
    os << '(' << t << ',' << w << ')';
    return os.str();
}

std::string Tridegree::str() const {
    std::ostringstream os;
    os << '(' << s << ',' << t << ',' << w << ')';
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Bidegree& d) { return os << d.str(); }
std::ostream& operator<<(std::ostream& os, const Tridegree& d) { return os << d.str(); }

} // namespace motex
