#ifndef FORGE_STRUCTURE_HPP
#define FORGE_STRUCTURE_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "forge/signature.hpp"

namespace forge {

using Tuple = std::vector<int>;

// A finite one-sorted structure with universe {0, .., n-1}.  Relation data is
// kept as sorted tuple lists, function data as dense tables indexed by the
// mixed-radix encoding of the argument tuple (first argument most
// significant).  Values are immutable after construction.
class FinStructure {
public:
  FinStructure() : sig_(make_signature({})), size_(0) {}

  FinStructure(SigPtr sig, int size,
               std::vector<std::vector<Tuple>> relations,
               std::vector<std::vector<int>> functions,
               std::vector<int> constants)
      : sig_(std::move(sig)), size_(size), rel_(std::move(relations)),
        fun_(std::move(functions)), con_(std::move(constants)) {
    normalize_and_validate();
  }

  const SigPtr& sig() const { return sig_; }
  int size() const { return size_; }

  const std::vector<Tuple>& rel(int r) const { return rel_[r]; }
  const std::vector<std::vector<Tuple>>& rels() const { return rel_; }
  const std::vector<int>& fun(int f) const { return fun_[f]; }
  const std::vector<std::vector<int>>& funs() const { return fun_; }
  int constant(int c) const { return con_[c]; }
  const std::vector<int>& constants() const { return con_; }

  bool rel_holds(int r, const Tuple& t) const {
    return std::binary_search(rel_[r].begin(), rel_[r].end(), t);
  }

  int fun_apply(int f, const Tuple& args) const {
    return fun_[f][fun_index(f, args)];
  }

  std::size_t fun_index(int f, const Tuple& args) const {
    std::size_t idx = 0;
    for (int a : args) idx = idx * static_cast<std::size_t>(size_) + static_cast<std::size_t>(a);
    (void)f;
    return idx;
  }

  std::size_t fun_table_size(int arity) const {
    std::size_t s = 1;
    for (int i = 0; i < arity; ++i) s *= static_cast<std::size_t>(size_);
    return s;
  }

  bool operator==(const FinStructure& o) const {
    return size_ == o.size_ && *sig_ == *o.sig_ && rel_ == o.rel_ &&
           fun_ == o.fun_ && con_ == o.con_;
  }
  bool operator!=(const FinStructure& o) const { return !(*this == o); }

  // Stable total order, used for canonical choices.
  bool operator<(const FinStructure& o) const {
    if (size_ != o.size_) return size_ < o.size_;
    if (rel_ != o.rel_) return rel_ < o.rel_;
    if (fun_ != o.fun_) return fun_ < o.fun_;
    return con_ < o.con_;
  }

  // Image of this structure under a permutation of the universe.
  FinStructure relabel(const std::vector<int>& perm) const {
    std::vector<std::vector<Tuple>> nr(rel_.size());
    for (std::size_t r = 0; r < rel_.size(); ++r) {
      nr[r].reserve(rel_[r].size());
      for (const Tuple& t : rel_[r]) {
        Tuple u(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) u[i] = perm[t[i]];
        nr[r].push_back(std::move(u));
      }
    }
    std::vector<std::vector<int>> nf(fun_.size());
    for (std::size_t f = 0; f < fun_.size(); ++f) {
      int ar = sig_->functions()[f].arity;
      nf[f].assign(fun_[f].size(), 0);
      Tuple args(ar, 0);
      for (std::size_t idx = 0; idx < fun_[f].size(); ++idx) {
        decode_tuple(idx, ar, args);
        Tuple pargs(ar);
        for (int i = 0; i < ar; ++i) pargs[i] = perm[args[i]];
        std::size_t pidx = 0;
        for (int a : pargs) pidx = pidx * size_ + a;
        nf[f][pidx] = perm[fun_[f][idx]];
      }
    }
    std::vector<int> nc(con_.size());
    for (std::size_t c = 0; c < con_.size(); ++c) nc[c] = perm[con_[c]];
    return FinStructure(sig_, size_, std::move(nr), std::move(nf), std::move(nc));
  }

  // Induced substructure on the given elements; `elems` must be closed under
  // the function tables and contain all constants.  Element i of the result
  // corresponds to elems[i].
  FinStructure induced(const std::vector<int>& elems) const {
    std::vector<int> pos(size_, -1);
    for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<int>(i);
    std::vector<std::vector<Tuple>> nr(rel_.size());
    for (std::size_t r = 0; r < rel_.size(); ++r) {
      for (const Tuple& t : rel_[r]) {
        bool inside = true;
        for (int e : t)
          if (pos[e] < 0) { inside = false; break; }
        if (!inside) continue;
        Tuple u(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) u[i] = pos[t[i]];
        nr[r].push_back(std::move(u));
      }
    }
    int ns = static_cast<int>(elems.size());
    std::vector<std::vector<int>> nf(fun_.size());
    for (std::size_t f = 0; f < fun_.size(); ++f) {
      int ar = sig_->functions()[f].arity;
      std::size_t tbl = 1;
      for (int i = 0; i < ar; ++i) tbl *= ns;
      nf[f].assign(tbl, 0);
      Tuple args(ar, 0);
      for (std::size_t idx = 0; idx < tbl; ++idx) {
        std::size_t rem = idx;
        for (int i = ar - 1; i >= 0; --i) { args[i] = static_cast<int>(rem % ns); rem /= ns; }
        Tuple gargs(ar);
        for (int i = 0; i < ar; ++i) gargs[i] = elems[args[i]];
        int out = fun_apply(static_cast<int>(f), gargs);
        if (pos[out] < 0)
          throw std::invalid_argument("induced: element set not closed under functions");
        nf[f][idx] = pos[out];
      }
    }
    std::vector<int> nc(con_.size());
    for (std::size_t c = 0; c < con_.size(); ++c) {
      if (pos[con_[c]] < 0)
        throw std::invalid_argument("induced: element set misses a constant");
      nc[c] = pos[con_[c]];
    }
    return FinStructure(sig_, ns, std::move(nr), std::move(nf), std::move(nc));
  }

  // Flat integer certificate; equal structures give equal certificates.
  std::vector<int> certificate() const {
    std::vector<int> out;
    out.push_back(size_);
    for (const auto& r : rel_) {
      out.push_back(static_cast<int>(r.size()));
      for (const Tuple& t : r)
        for (int e : t) out.push_back(e);
    }
    for (const auto& f : fun_)
      for (int v : f) out.push_back(v);
    for (int c : con_) out.push_back(c);
    return out;
  }

  void decode_tuple(std::size_t idx, int arity, Tuple& out) const {
    out.resize(arity);
    for (int i = arity - 1; i >= 0; --i) {
      out[i] = static_cast<int>(idx % size_);
      idx /= size_;
    }
  }

private:
  void normalize_and_validate() {
    if (size_ < 0) throw std::invalid_argument("structure: negative size");
    if (size_ == 0 && !sig_->constants().empty())
      throw std::invalid_argument("structure: empty universe with constants");
    if (rel_.size() != sig_->relations().size())
      throw std::invalid_argument("structure: relation count mismatch");
    if (fun_.size() != sig_->functions().size())
      throw std::invalid_argument("structure: function count mismatch");
    if (con_.size() != sig_->constants().size())
      throw std::invalid_argument("structure: constant count mismatch");
    for (std::size_t r = 0; r < rel_.size(); ++r) {
      int ar = sig_->relations()[r].arity;
      for (const Tuple& t : rel_[r]) {
        if (static_cast<int>(t.size()) != ar)
          throw std::invalid_argument("structure: tuple arity mismatch");
        for (int e : t)
          if (e < 0 || e >= size_)
            throw std::invalid_argument("structure: tuple entry out of range");
      }
      std::sort(rel_[r].begin(), rel_[r].end());
      rel_[r].erase(std::unique(rel_[r].begin(), rel_[r].end()), rel_[r].end());
    }
    for (std::size_t f = 0; f < fun_.size(); ++f) {
      int ar = sig_->functions()[f].arity;
      if (fun_[f].size() != fun_table_size(ar))
        throw std::invalid_argument("structure: partial function table for '" +
                                    sig_->functions()[f].name + "'");
      for (int v : fun_[f])
        if (v < 0 || v >= size_)
          throw std::invalid_argument("structure: function value out of range");
    }
    for (int c : con_)
      if (c < 0 || c >= size_)
        throw std::invalid_argument("structure: constant out of range");
  }

  SigPtr sig_;
  int size_;
  std::vector<std::vector<Tuple>> rel_;
  std::vector<std::vector<int>> fun_;
  std::vector<int> con_;
};

} // namespace forge

#endif
