#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace fax {

/// Sorted, duplicate-free set of 1-based word positions.
class IndexSet {
public:
    IndexSet() = default;

    IndexSet(std::initializer_list<std::size_t> positions)
        : IndexSet(std::vector<std::size_t>(positions)) {}

    explicit IndexSet(std::vector<std::size_t> positions) : positions_(std::move(positions)) {
        std::sort(positions_.begin(), positions_.end());
        positions_.erase(std::unique(positions_.begin(), positions_.end()), positions_.end());
    }

    /// The full set {1, ..., n}.
    static IndexSet full(std::size_t n) {
        std::vector<std::size_t> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = i + 1;
        IndexSet s;
        s.positions_ = std::move(v);
        return s;
    }

    bool contains(std::size_t p) const {
        return std::binary_search(positions_.begin(), positions_.end(), p);
    }

    void insert(std::size_t p) {
        auto it = std::lower_bound(positions_.begin(), positions_.end(), p);
        if (it == positions_.end() || *it != p) positions_.insert(it, p);
    }

    void erase(std::size_t p) {
        auto it = std::lower_bound(positions_.begin(), positions_.end(), p);
        if (it != positions_.end() && *it == p) positions_.erase(it);
    }

    std::size_t size() const { return positions_.size(); }
    bool empty() const { return positions_.empty(); }

    /// {1..n} minus this set.
    IndexSet complement(std::size_t n) const {
        IndexSet out;
        out.positions_.reserve(n - positions_.size());
        std::size_t k = 0;
        for (std::size_t p = 1; p <= n; ++p) {
            if (k < positions_.size() && positions_[k] == p) {
                ++k;
            } else {
                out.positions_.push_back(p);
            }
        }
        return out;
    }

    bool is_subset_of(const IndexSet& other) const {
        return std::includes(other.positions_.begin(), other.positions_.end(),
                             positions_.begin(), positions_.end());
    }

    bool intersects(const IndexSet& other) const {
        auto a = positions_.begin();
        auto b = other.positions_.begin();
        while (a != positions_.end() && b != other.positions_.end()) {
            if (*a < *b) {
                ++a;
            } else if (*b < *a) {
                ++b;
            } else {
                return true;
            }
        }
        return false;
    }

    const std::vector<std::size_t>& positions() const { return positions_; }
    auto begin() const { return positions_.begin(); }
    auto end() const { return positions_.end(); }

    std::string str() const {
        std::string out = "{";
        for (std::size_t i = 0; i < positions_.size(); ++i) {
            if (i > 0) out += ",";
            out += std::to_string(positions_[i]);
        }
        return out + "}";
    }

    bool operator==(const IndexSet& other) const { return positions_ == other.positions_; }
    bool operator!=(const IndexSet& other) const { return !(*this == other); }
    bool operator<(const IndexSet& other) const { return positions_ < other.positions_; }

private:
    std::vector<std::size_t> positions_;
};

}  // namespace fax
