#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace jrank {

using ItemId = std::uint32_t;
using UserId = std::uint32_t;

/// Fixed-width bitset; used both for item sets (width m) and user sets (width n).
using Bitset = boost::dynamic_bitset<std::uint64_t>;
using ItemSet = Bitset;
using UserSet = Bitset;

Bitset make_bitset(std::size_t width, std::span<const std::uint32_t> members);
Bitset make_bitset(std::size_t width, std::initializer_list<std::uint32_t> members);

/// Members in ascending order.
std::vector<std::uint32_t> members_of(const Bitset& set);

}  // namespace jrank
