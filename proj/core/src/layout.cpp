#include "qsync/layout.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace qsync {

HilbertLayout::HilbertLayout(std::initializer_list<Factor> factors)
    : HilbertLayout(std::vector<Factor>(factors)) {}

HilbertLayout::HilbertLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
    validate();
    for (const auto& f : factors_) dim_ *= f.dim;
}

void HilbertLayout::validate() const {
    if (factors_.empty()) throw std::invalid_argument("layout needs at least one factor");
    std::set<std::string> seen;
    for (const auto& f : factors_) {
        if (f.dim < 2) throw std::invalid_argument("factor '" + f.label + "' has dim < 2");
        if (!seen.insert(f.label).second)
            throw std::invalid_argument("duplicate factor label '" + f.label + "'");
    }
}

bool HilbertLayout::has(std::string_view label) const {
    return std::any_of(factors_.begin(), factors_.end(),
                       [&](const Factor& f) { return f.label == label; });
}

int HilbertLayout::index_of(std::string_view label) const {
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (factors_[i].label == label) return static_cast<int>(i);
    throw std::invalid_argument("unknown factor label '" + std::string(label) + "'");
}

int HilbertLayout::dim_of(std::string_view label) const {
    return factors_[static_cast<std::size_t>(index_of(label))].dim;
}

std::vector<std::string> HilbertLayout::labels() const {
    std::vector<std::string> out;
    out.reserve(factors_.size());
    for (const auto& f : factors_) out.push_back(f.label);
    return out;
}

std::vector<int> HilbertLayout::decompose(int index) const {
    if (index < 0 || index >= dim_) throw std::out_of_range("basis index out of range");
    std::vector<int> digits(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
        digits[i] = index % factors_[i].dim;
        index /= factors_[i].dim;
    }
    return digits;
}

int HilbertLayout::compose(const std::vector<int>& digits) const {
    if (digits.size() != factors_.size())
        throw std::invalid_argument("digit count does not match factor count");
    int index = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (digits[i] < 0 || digits[i] >= factors_[i].dim)
            throw std::out_of_range("digit out of range for factor " + factors_[i].label);
        index = index * factors_[i].dim + digits[i];
    }
    return index;
}

bool HilbertLayout::operator==(const HilbertLayout& other) const {
    if (factors_.size() != other.factors_.size()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (factors_[i].label != other.factors_[i].label || factors_[i].dim != other.factors_[i].dim)
            return false;
    return true;
}

IndexSplit::IndexSplit(const HilbertLayout& layout, std::vector<int> positions) {
    std::sort(positions.begin(), positions.end());
    if (std::adjacent_find(positions.begin(), positions.end()) != positions.end())
        throw std::invalid_argument("duplicate factor position");
    for (int p : positions)
        if (p < 0 || p >= layout.factor_count()) throw std::out_of_range("factor position out of range");

    const int n = layout.factor_count();
    std::vector<int> stride(static_cast<std::size_t>(n), 1);
    for (int i = n - 2; i >= 0; --i) stride[static_cast<std::size_t>(i)] = stride[static_cast<std::size_t>(i + 1)] * layout.factor(i + 1).dim;

    std::vector<int> sel_pos = positions, rest_pos;
    for (int i = 0; i < n; ++i)
        if (!std::binary_search(sel_pos.begin(), sel_pos.end(), i)) rest_pos.push_back(i);

    auto build = [&](const std::vector<int>& pos, int& dim_out, std::vector<int>& offsets) {
        dim_out = 1;
        for (int p : pos) dim_out *= layout.factor(p).dim;
        offsets.assign(static_cast<std::size_t>(dim_out), 0);
        for (int idx = 0; idx < dim_out; ++idx) {
            int rem = idx, off = 0;
            for (std::size_t k = pos.size(); k-- > 0;) {
                const int d = layout.factor(pos[k]).dim;
                off += (rem % d) * stride[static_cast<std::size_t>(pos[k])];
                rem /= d;
            }
            offsets[static_cast<std::size_t>(idx)] = off;
        }
    };
    build(sel_pos, sel_dim_, sel_offset_);
    build(rest_pos, rest_dim_, rest_offset_);
}

}  // namespace qsync
