#pragma once

#include <map>
#include <string>

#include "schur/sqrt_rational.hpp"

namespace schur {

// Decomposition result: computational-basis qudit strings -> exact amplitudes.
// Keys are in particle order (first particle leftmost), digits '0','1'
// ('2' for qutrits), matching the readout convention of the worked examples.
class AmplitudeMap {
  public:
    using Map = std::map<std::string, SqrtSum>;

    void add(const std::string& key, const SqrtRational& amp) {
        if (amp.is_zero()) return;
        auto& slot = map_[key];
        slot.add(amp);
        if (slot.is_zero()) map_.erase(key);
    }
    void add(const std::string& key, const SqrtSum& amp) {
        for (const auto& t : amp.as_sqrt_terms()) add(key, t);
    }

    const Map& entries() const { return map_; }
    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }

    const SqrtSum* find(const std::string& key) const {
        auto it = map_.find(key);
        return it == map_.end() ? nullptr : &it->second;
    }

    // exact <this|other> accumulated over all keys before demanding
    // rationality: the radical cross terms cancel only globally
    SqrtSum inner_sum(const AmplitudeMap& other) const {
        SqrtSum acc;
        for (const auto& [k, v] : map_) {
            const SqrtSum* o = other.find(k);
            if (o) acc.add(v.times(*o));
        }
        return acc;
    }

    Rational inner(const AmplitudeMap& other) const { return inner_sum(other).to_rational(); }

    Rational norm_squared() const { return inner(*this); }

    friend bool operator==(const AmplitudeMap& a, const AmplitudeMap& b) {
        if (a.map_.size() != b.map_.size()) return false;
        auto it = a.map_.begin();
        auto jt = b.map_.begin();
        for (; it != a.map_.end(); ++it, ++jt)
            if (it->first != jt->first || !(it->second == jt->second)) return false;
        return true;
    }
    friend bool operator!=(const AmplitudeMap& a, const AmplitudeMap& b) { return !(a == b); }

  private:
    Map map_;
};

}  // namespace schur
