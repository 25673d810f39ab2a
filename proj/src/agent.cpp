#include "rdiff/agent.hpp"

#include <stdexcept>

namespace rdiff {

DataWindow::DataWindow(std::size_t capacity, std::size_t dim)
    : cap_(capacity), dim_(dim), d_(capacity, 0.0), u_(capacity * dim, 0.0) {
    if (capacity == 0) throw std::invalid_argument("window capacity must be >= 1");
}

void DataWindow::push(const Observation& obs) {
    require_same_dim(obs.u.size(), dim_, "DataWindow::push");
    d_[head_] = obs.d;
    for (std::size_t m = 0; m < dim_; ++m) u_[m * cap_ + head_] = obs.u[m];
    head_ = (head_ + 1) % cap_;
    if (size_ < cap_) ++size_;
}

} // namespace rdiff
