#include "gibbscert/common.hpp"

#include <cmath>

namespace gibbscert {

void CompensatedSum::add(double v) noexcept {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
        comp_ += (sum_ - t) + v;
    } else {
        comp_ += (v - t) + sum_;
    }
    sum_ = t;
}

double compensated_total(const std::vector<double>& values) noexcept {
    CompensatedSum s;
    for (double v : values) s.add(v);
    return s.value();
}

ConfigSpace::ConfigSpace(std::size_t vertex_count, std::size_t alphabet_size)
    : n_(vertex_count), q_(alphabet_size), size_(1), strides_(vertex_count) {
    if (q_ == 0) throw ModelError("empty alphabet");
    for (std::size_t v = 0; v < n_; ++v) {
        strides_[v] = size_;
        size_ *= q_;
    }
}

Configuration ConfigSpace::decode(std::size_t index) const {
    Configuration x(n_);
    for (std::size_t v = 0; v < n_; ++v) {
        x[v] = static_cast<int>(index % q_);
        index /= q_;
    }
    return x;
}

std::size_t ConfigSpace::encode(const Configuration& x) const {
    if (x.size() != n_) throw ModelError("configuration length does not match vertex count");
    std::size_t index = 0;
    for (std::size_t v = 0; v < n_; ++v) {
        if (x[v] < 0 || static_cast<std::size_t>(x[v]) >= q_)
            throw ModelError("configuration symbol out of range at vertex " + std::to_string(v));
        index += static_cast<std::size_t>(x[v]) * strides_[v];
    }
    return index;
}

std::size_t checked_power(std::size_t q, std::size_t n, std::size_t cap, const std::string& what) {
    std::size_t result = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (q != 0 && result > cap / q) {
            throw CapExceeded(what + ": state space exceeds cap of " + std::to_string(cap) + " entries");
        }
        result *= q;
    }
    if (result > cap) {
        throw CapExceeded(what + ": state space of " + std::to_string(result) + " entries exceeds cap of " +
                          std::to_string(cap));
    }
    return result;
}

}  // namespace gibbscert
