#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace qsync {

/// One tensor factor of a composite Hilbert space.
struct Factor {
    std::string label;
    int dim = 0;
};

/// Ordered list of labelled subsystem dimensions.
///
/// The factor order fixes the Kronecker convention everywhere in the library:
/// factor 0 carries the most significant index, so a full basis index
/// decomposes as i = ((i0*d1 + i1)*d2 + i2)* ...  Layouts are immutable after
/// construction; every operator and state carrying a layout agrees on it.
class HilbertLayout {
public:
    HilbertLayout(std::initializer_list<Factor> factors);
    explicit HilbertLayout(std::vector<Factor> factors);

    int dim() const { return dim_; }
    int factor_count() const { return static_cast<int>(factors_.size()); }
    const Factor& factor(int i) const { return factors_.at(static_cast<std::size_t>(i)); }
    const std::vector<Factor>& factors() const { return factors_; }

    bool has(std::string_view label) const;
    /// Position of the factor with this label; throws std::invalid_argument.
    int index_of(std::string_view label) const;
    int dim_of(std::string_view label) const;
    std::vector<std::string> labels() const;

    /// Mixed-radix digits of a full basis index, factor 0 first.
    std::vector<int> decompose(int index) const;
    int compose(const std::vector<int>& digits) const;

    bool operator==(const HilbertLayout& other) const;
    bool operator!=(const HilbertLayout& other) const { return !(*this == other); }

private:
    void validate() const;

    std::vector<Factor> factors_;
    int dim_ = 1;
};

/// Splits full basis indices into a (selected, rest) pair of sub-indices for
/// a subset of factors. Both sub-indices run over their factors in layout
/// order; fuse() recombines them into a full index in O(1).
class IndexSplit {
public:
    IndexSplit(const HilbertLayout& layout, std::vector<int> positions);

    int sel_dim() const { return sel_dim_; }
    int rest_dim() const { return rest_dim_; }
    int fuse(int sel, int rest) const { return sel_offset_[static_cast<std::size_t>(sel)] + rest_offset_[static_cast<std::size_t>(rest)]; }

private:
    int sel_dim_ = 1;
    int rest_dim_ = 1;
    std::vector<int> sel_offset_;
    std::vector<int> rest_offset_;
};

}  // namespace qsync
