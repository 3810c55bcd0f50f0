#pragma once

// Finitely supported linear combinations over an exact field. Zero
// coefficients are never stored, so support equality is term-map equality.

#include <map>

#include "lpa/field.hpp"

namespace lpa {

template <class Key>
class LinComb {
public:
    explicit LinComb(FieldSpec field) : field_(std::move(field)) {}

    LinComb(FieldSpec field, const Key& k, const Scalar& c) : field_(std::move(field)) {
        add_term(k, c);
    }

    const FieldSpec& field() const { return field_; }
    bool empty() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    const std::map<Key, Scalar>& terms() const { return terms_; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    Scalar coefficient(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Scalar::zero(field_) : it->second;
    }

    void add_term(const Key& k, const Scalar& c) {
        if (c.field() != field_)
            throw FieldMismatch("coefficient over " + c.field().describe() +
                                " added to combination over " + field_.describe());
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    LinComb operator+(const LinComb& o) const {
        LinComb r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k, c);
        return r;
    }

    LinComb operator-(const LinComb& o) const {
        LinComb r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k, -c);
        return r;
    }

    LinComb operator-() const {
        LinComb r(field_);
        for (const auto& [k, c] : terms_) r.add_term(k, -c);
        return r;
    }

    LinComb scaled(const Scalar& s) const {
        LinComb r(field_);
        for (const auto& [k, c] : terms_) r.add_term(k, c * s);
        return r;
    }

    bool operator==(const LinComb& o) const {
        return field_ == o.field_ && terms_ == o.terms_;
    }
    bool operator!=(const LinComb& o) const { return !(*this == o); }

private:
    FieldSpec field_;
    std::map<Key, Scalar> terms_;
};

}  // namespace lpa
