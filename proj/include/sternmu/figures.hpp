#pragma once

#include <vector>

#include "sternmu/dilation.hpp"
#include "sternmu/fourier.hpp"

namespace sternmu {

// Data series behind the three standard plots: the |mu_hat| profile on [0,1],
// the distribution function on a dyadic grid, and the two dilation curves.

struct profile_point {
    double kappa, abs_mu;
};
std::vector<profile_point> figure_profile(int grid, const fourier_settings& settings = {});

struct cdf_point {
    dyadic x;
    bigrat f;
};
std::vector<cdf_point> figure_cdf(int level);

struct dilation_point {
    dyadic t;
    bigrat f0, f1;
};
std::vector<dilation_point> figure_dilation(int level);

}  // namespace sternmu
