#ifndef NAGATA_NAGATA_HPP
#define NAGATA_NAGATA_HPP

#include "errors.hpp"
#include "metric.hpp"
#include "covering.hpp"
#include "nerve.hpp"
#include "hierarchy.hpp"
#include "tree.hpp"
#include "tree_embed.hpp"
#include "whitney.hpp"
#include "reduction.hpp"

namespace nagata {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nagata

#endif  // NAGATA_NAGATA_HPP
