#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <utility>

namespace pqvw {

/// Map with idempotent inserts, safe for concurrent readers and writers.
///
/// Two threads may compute the same value; the first insert wins and both see
/// equal values. Stored values are never modified afterwards.
template <class Key, class Value>
class ConcurrentCache
{
public:
  std::optional<Value> find(const Key& k) const
  {
    std::shared_lock lock(m_mutex);
    auto it = m_map.find(k);
    if (it == m_map.end())
      return std::nullopt;
    return it->second;
  }

  Value insert(const Key& k, Value v)
  {
    std::unique_lock lock(m_mutex);
    auto [it, inserted] = m_map.try_emplace(k, std::move(v));
    return it->second;
  }

  template <class F>
  Value get_or_compute(const Key& k, F&& compute)
  {
    if (auto hit = find(k))
      return std::move(*hit);
    return insert(k, compute());
  }

  std::size_t size() const
  {
    std::shared_lock lock(m_mutex);
    return m_map.size();
  }

private:
  mutable std::shared_mutex m_mutex;
  std::map<Key, Value> m_map;
};

} // namespace pqvw
