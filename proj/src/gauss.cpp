#include "coninv/gauss.hpp"

#include <numeric>
#include <stdexcept>

namespace coninv {

std::vector<GaussInt> gauss_all(const Modulus& m) {
    std::vector<GaussInt> out;
    out.reserve(std::size_t(m.m) * m.m);
    for (std::uint32_t a = 0; a < m.m; ++a)
        for (std::uint32_t b = 0; b < m.m; ++b) out.push_back(GaussInt::of(a, b, m.m));
    return out;
}

std::vector<GaussInt> norm_one_set(const Modulus& m) {
    std::vector<GaussInt> out;
    for (std::uint32_t a = 0; a < m.m; ++a)
        for (std::uint32_t b = 0; b < m.m; ++b) {
            GaussInt z = GaussInt::of(a, b, m.m);
            if (gauss_norm(z).value() == 1) out.push_back(z);
        }
    return out;
}

std::uint64_t norm_one_count(const Modulus& m) {
    return norm_one_set(m).size();
}

std::uint64_t unit_group_order(const Modulus& m) {
    if (m.m > 10000) throw std::invalid_argument("unit_group_order: enumeration capped at m <= 10^4");
    std::uint64_t count = 0;
    for (std::uint32_t a = 0; a < m.m; ++a)
        for (std::uint32_t b = 0; b < m.m; ++b) {
            std::uint32_t n = gauss_norm(GaussInt::of(a, b, m.m)).value();
            if (std::gcd<std::uint64_t>(n, m.m) == 1) ++count;
        }
    return count;
}

} // namespace coninv
