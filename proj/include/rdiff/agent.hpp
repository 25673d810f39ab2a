#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "rdiff/model.hpp"
#include "rdiff/topology.hpp"

namespace rdiff {

// Ring buffer of the last `capacity` observations, stored column-wise:
// d[j] and u[m * capacity + j]. Slot order is irrelevant to the window mean.
class DataWindow {
public:
    DataWindow() = default;
    DataWindow(std::size_t capacity, std::size_t dim);

    void push(const Observation& obs);
    std::size_t size() const noexcept { return size_; }
    std::size_t capacity() const noexcept { return cap_; }
    std::size_t dim() const noexcept { return dim_; }
    bool empty() const noexcept { return size_ == 0; }

    const double* d() const noexcept { return d_.data(); }
    // Column m of the regressors; the first size() slots are valid.
    const double* u_column(std::size_t m) const noexcept { return u_.data() + m * cap_; }

private:
    std::size_t cap_ = 0;
    std::size_t dim_ = 0;
    std::size_t size_ = 0;
    std::size_t head_ = 0;
    std::vector<double> d_;
    std::vector<double> u_;
};

// Small sorted map neighbor id -> value.
template <class T>
class FlatMap {
public:
    using value_type = std::pair<AgentId, T>;

    FlatMap() = default;
    FlatMap(std::initializer_list<value_type> init) {
        for (const auto& kv : init) set(kv.first, kv.second);
    }

    T* find(AgentId id) {
        auto it = lower(id);
        return (it != items_.end() && it->first == id) ? &it->second : nullptr;
    }
    const T* find(AgentId id) const {
        auto it = lower(id);
        return (it != items_.end() && it->first == id) ? &it->second : nullptr;
    }
    bool contains(AgentId id) const { return find(id) != nullptr; }
    T get(AgentId id, T fallback = T{}) const {
        const T* p = find(id);
        return p ? *p : fallback;
    }
    void set(AgentId id, T value) {
        auto it = lower(id);
        if (it != items_.end() && it->first == id)
            it->second = std::move(value);
        else
            items_.insert(it, {id, std::move(value)});
    }
    bool erase(AgentId id) {
        auto it = lower(id);
        if (it == items_.end() || it->first != id) return false;
        items_.erase(it);
        return true;
    }
    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }
    void clear() { items_.clear(); }
    void reserve(std::size_t n) { items_.reserve(n); }

    auto begin() { return items_.begin(); }
    auto end() { return items_.end(); }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

private:
    auto lower(AgentId id) {
        return std::lower_bound(items_.begin(), items_.end(), id,
                                [](const value_type& kv, AgentId x) { return kv.first < x; });
    }
    auto lower(AgentId id) const {
        return std::lower_bound(items_.begin(), items_.end(), id,
                                [](const value_type& kv, AgentId x) { return kv.first < x; });
    }

    std::vector<value_type> items_;
};

using GammaTable = FlatMap<double>;

struct AgentState {
    StateVector w;   // w_{k,i-1} at round start
    StateVector psi; // intermediate estimate of the current round
    GammaTable gamma_sq;
    DataWindow window;
    double mu = 0.01;
    double nu = 0.01;
};

} // namespace rdiff
