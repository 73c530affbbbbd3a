#include "sternmu/figures.hpp"

#include <cmath>
#include <stdexcept>

namespace sternmu {

std::vector<profile_point> figure_profile(int grid, const fourier_settings& settings) {
    if (grid < 2) throw std::domain_error("figure_profile: grid must be >= 2");
    std::vector<profile_point> out;
    out.reserve(grid + 1);
    for (int i = 0; i <= grid; ++i) {
        const double kappa = static_cast<double>(i) / grid;
        out.push_back({kappa, std::fabs(mu_hat(kappa, settings))});
    }
    return out;
}

std::vector<cdf_point> figure_cdf(int level) {
    if (level < 1 || level > 16) throw std::domain_error("figure_cdf: level must be in [1,16]");
    std::vector<cdf_point> out;
    const std::uint64_t cells = std::uint64_t{1} << level;
    out.reserve(cells + 1);
    for (std::uint64_t j = 0; j <= cells; ++j) {
        dyadic x(bigint(j), level);
        out.push_back({x, cdf(x)});
    }
    return out;
}

std::vector<dilation_point> figure_dilation(int level) {
    if (level < 1 || level > 16)
        throw std::domain_error("figure_dilation: level must be in [1,16]");
    std::vector<dilation_point> out;
    const std::uint64_t cells = std::uint64_t{1} << level;
    out.reserve(cells + 1);
    for (std::uint64_t j = 0; j <= cells; ++j) {
        dyadic t(bigint(j), level);
        const dilation_values v = f_dyadic(t);
        out.push_back({t, v.f0, v.f1});
    }
    return out;
}

}  // namespace sternmu
