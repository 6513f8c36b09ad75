#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "flowreconf/errors.hpp"

namespace flowreconf {

/// A finite abelian group presented as a product of cyclic factors
/// Z_m0 x Z_m1 x ... (every modulus >= 2). Elements are residue vectors in
/// reduced form, one residue per factor. Internally elements travel as a
/// mixed-radix integer code (first factor most significant), so ascending
/// code order coincides with lexicographic order on residue vectors.
class GroupSpec {
  public:
    static constexpr long long default_order_cap = 1ll << 20;

    GroupSpec() = default;

    const std::vector<int>& moduli() const { return moduli_; }
    long long order() const { return order_; }
    int factor_count() const { return static_cast<int>(moduli_.size()); }

    int32_t encode(const std::vector<int32_t>& residues) const {
        if (residues.size() != moduli_.size())
            throw validation_error("group element arity mismatch");
        long long code = 0;
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            int32_t r = residues[i];
            if (r < 0 || r >= moduli_[i])
                throw validation_error("residue out of range");
            code = code * moduli_[i] + r;
        }
        return static_cast<int32_t>(code);
    }

    std::vector<int32_t> decode(int32_t code) const {
        std::vector<int32_t> residues(moduli_.size());
        long long c = code;
        for (int i = factor_count() - 1; i >= 0; --i) {
            residues[i] = static_cast<int32_t>(c % moduli_[i]);
            c /= moduli_[i];
        }
        return residues;
    }

    int32_t add_codes(int32_t a, int32_t b) const {
        long long out = 0;
        long long ca = a, cb = b;
        // digits are independent, so work from the most significant one down
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            long long s = strides_[i];
            long long da = ca / s, db = cb / s;
            ca -= da * s;
            cb -= db * s;
            out += ((da + db) % moduli_[i]) * s;
        }
        return static_cast<int32_t>(out);
    }

    int32_t neg_code(int32_t a) const {
        long long out = 0;
        long long ca = a;
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            long long s = strides_[i];
            long long da = ca / s;
            ca -= da * s;
            out += ((moduli_[i] - da) % moduli_[i]) * s;
        }
        return static_cast<int32_t>(out);
    }

    bool operator==(const GroupSpec& o) const { return moduli_ == o.moduli_; }
    bool operator!=(const GroupSpec& o) const { return !(*this == o); }

    /// Comma-separated moduli, e.g. "4" or "2,2"; the CLI notation.
    std::string notation() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < moduli_.size(); ++i) {
            if (i) os << ',';
            os << moduli_[i];
        }
        return os.str();
    }

    friend GroupSpec make_group(const std::vector<int>&, long long);

  private:
    std::vector<int> moduli_;
    std::vector<long long> strides_; // strides_[i] = product of moduli_[i+1..]
    long long order_ = 0;
};

inline GroupSpec make_group(const std::vector<int>& moduli,
                            long long order_cap = GroupSpec::default_order_cap) {
    if (moduli.empty()) throw validation_error("group needs at least one factor");
    GroupSpec spec;
    spec.moduli_ = moduli;
    spec.order_ = 1;
    for (int m : moduli) {
        if (m < 2) throw validation_error("group modulus must be at least 2");
        spec.order_ *= m;
        if (spec.order_ > order_cap) throw validation_error("group order exceeds cap");
    }
    spec.strides_.assign(moduli.size(), 1);
    for (int i = static_cast<int>(moduli.size()) - 2; i >= 0; --i)
        spec.strides_[i] = spec.strides_[i + 1] * moduli[i + 1];
    return spec;
}

/// Residue-vector view of a group element. Reduced form is canonical: two
/// equal elements always carry identical residue lists.
struct GroupElem {
    std::vector<int32_t> residues;

    bool operator==(const GroupElem& o) const { return residues == o.residues; }
    bool operator!=(const GroupElem& o) const { return !(*this == o); }
    bool operator<(const GroupElem& o) const { return residues < o.residues; }
};

inline GroupElem zero(const GroupSpec& spec) {
    return GroupElem{std::vector<int32_t>(spec.factor_count(), 0)};
}

inline GroupElem add(const GroupSpec& spec, const GroupElem& a, const GroupElem& b) {
    if (static_cast<int>(a.residues.size()) != spec.factor_count() ||
        static_cast<int>(b.residues.size()) != spec.factor_count())
        throw validation_error("group element arity mismatch");
    GroupElem out;
    out.residues.resize(spec.factor_count());
    for (int i = 0; i < spec.factor_count(); ++i)
        out.residues[i] = (a.residues[i] + b.residues[i]) % spec.moduli()[i];
    return out;
}

inline GroupElem neg(const GroupSpec& spec, const GroupElem& a) {
    if (static_cast<int>(a.residues.size()) != spec.factor_count())
        throw validation_error("group element arity mismatch");
    GroupElem out;
    out.residues.resize(spec.factor_count());
    for (int i = 0; i < spec.factor_count(); ++i)
        out.residues[i] = (spec.moduli()[i] - a.residues[i]) % spec.moduli()[i];
    return out;
}

/// All order-1 nonzero elements in lexicographic residue order.
inline std::vector<GroupElem> nonzero_elements(const GroupSpec& spec) {
    std::vector<GroupElem> out;
    out.reserve(static_cast<std::size_t>(spec.order() - 1));
    for (int32_t code = 1; code < spec.order(); ++code)
        out.push_back(GroupElem{spec.decode(code)});
    return out;
}

/// A designated split of a product group into two blocks of factors;
/// the combined spec concatenates the moduli, so a combined code is
/// first_code * |second| + second_code.
struct GroupProduct {
    GroupSpec first;
    GroupSpec second;
    GroupSpec combined;

    int32_t first_code(int32_t code) const {
        return static_cast<int32_t>(code / second.order());
    }
    int32_t second_code(int32_t code) const {
        return static_cast<int32_t>(code % second.order());
    }
    int32_t combine(int32_t a, int32_t b) const {
        return static_cast<int32_t>(a * second.order() + b);
    }
};

inline GroupProduct make_product(const GroupSpec& a, const GroupSpec& b,
                                 long long order_cap = GroupSpec::default_order_cap) {
    std::vector<int> moduli = a.moduli();
    moduli.insert(moduli.end(), b.moduli().begin(), b.moduli().end());
    return GroupProduct{a, b, make_group(moduli, order_cap)};
}

} // namespace flowreconf
