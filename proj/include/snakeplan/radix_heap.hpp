#pragma once

#include <cassert>
#include <cstdint>
#include <utility>
#include <vector>

namespace snakeplan {

// Monotone priority queue over 64-bit keys: pushed keys must be >= the last
// popped key. Buckets are indexed by the most significant bit distinguishing a
// key from the last popped minimum, as usual for radix heaps.
template <typename Value>
class RadixHeap {
 public:
  struct Entry {
    std::uint64_t key;
    Value value;
  };

  bool empty() const { return size_ == 0; }
  std::size_t size() const { return size_; }

  void push(std::uint64_t key, Value value) {
    assert(key >= last_min_ && "radix heap keys must be monotone");
    buckets_[bucket_of(key)].push_back({key, value});
    ++size_;
  }

  Entry pop_min() {
    assert(size_ > 0);
    if (buckets_[0].empty()) {
      std::size_t i = 1;
      while (buckets_[i].empty()) ++i;
      // Redistribute the first nonempty bucket around its minimum.
      std::uint64_t bucket_min = buckets_[i][0].key;
      for (const Entry& e : buckets_[i]) bucket_min = std::min(bucket_min, e.key);
      last_min_ = bucket_min;
      std::vector<Entry> spill;
      spill.swap(buckets_[i]);
      for (Entry& e : spill) buckets_[bucket_of(e.key)].push_back(std::move(e));
    }
    Entry out = buckets_[0].back();
    buckets_[0].pop_back();
    --size_;
    return out;
  }

 private:
  static constexpr int kBuckets = 65;

  int bucket_of(std::uint64_t key) const {
    const std::uint64_t diff = key ^ last_min_;
    return diff == 0 ? 0 : 64 - __builtin_clzll(diff);
  }

  std::vector<Entry> buckets_[kBuckets];
  std::uint64_t last_min_ = 0;
  std::size_t size_ = 0;
};

}  // namespace snakeplan
