#include "coninv/quat.hpp"

namespace coninv {

std::vector<QuatInt> quat_all(const Modulus& m) {
    std::vector<QuatInt> out;
    out.reserve(std::size_t(m.m) * m.m * m.m * m.m);
    for (std::uint32_t a = 0; a < m.m; ++a)
        for (std::uint32_t b = 0; b < m.m; ++b)
            for (std::uint32_t c = 0; c < m.m; ++c)
                for (std::uint32_t d = 0; d < m.m; ++d)
                    out.push_back(QuatInt::of(a, b, c, d, m.m));
    return out;
}

std::vector<QuatInt> quat_norm_one_set(const Modulus& m) {
    std::vector<QuatInt> out;
    for (std::uint32_t a = 0; a < m.m; ++a)
        for (std::uint32_t b = 0; b < m.m; ++b)
            for (std::uint32_t c = 0; c < m.m; ++c)
                for (std::uint32_t d = 0; d < m.m; ++d) {
                    QuatInt z = QuatInt::of(a, b, c, d, m.m);
                    if (quat_norm(z).value() == 1) out.push_back(z);
                }
    return out;
}

} // namespace coninv
