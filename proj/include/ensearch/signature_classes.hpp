#pragma once

// Tuples grouped by packed relation signature. Equal signatures have equal
// duplicate sets, so searches over the duplicate order only need one entry
// per class: the smallest tuple maximum seen and a tuple achieving it.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ensearch/kernels.hpp"

namespace ensearch {

class SignatureClasses {
 public:
  explicit SignatureClasses(const kernels::SignatureLayout& layout);

  // Adds one tuple with packed signature `sig`. Returns its class index.
  std::uint32_t add(const std::uint64_t* sig, std::span<const std::uint32_t> tuple);
  // Folds `other` in; classes new to this table keep `other`'s order.
  void merge(const SignatureClasses& other);

  std::size_t size() const { return min_max_.size(); }
  std::size_t stride() const { return stride_; }
  std::size_t n() const { return n_; }
  const std::uint64_t* signature(std::size_t c) const { return words_.data() + c * stride_; }
  std::uint32_t min_max(std::size_t c) const { return min_max_[c]; }
  std::uint64_t members(std::size_t c) const { return members_[c]; }
  std::span<const std::uint32_t> representative(std::size_t c) const {
    return {reps_.data() + c * n_, n_};
  }
  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::uint32_t insert(const std::uint64_t* sig, std::span<const std::uint32_t> tuple,
                       std::uint32_t tuple_max, std::uint64_t count);
  std::size_t hash(const std::uint64_t* sig) const;
  void grow();

  std::size_t stride_;
  std::size_t n_;
  std::vector<std::uint64_t> words_;
  std::vector<std::uint32_t> min_max_;
  std::vector<std::uint64_t> members_;
  std::vector<std::uint32_t> reps_;
  std::vector<std::uint32_t> slots_;  // open addressing, kEmpty when free
};

// Enumerates {0..m-1}^n (last coordinate fastest) and groups it into
// signature classes, splitting the index range over `threads` workers. The
// class order is the order of first appearance, independent of `threads`.
SignatureClasses classify_box(std::size_t n, std::uint32_t m, unsigned threads,
                              const kernels::KernelTable& kernels);

}  // namespace ensearch
