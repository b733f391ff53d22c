#ifndef HLT_CHECKPOINT_H_
#define HLT_CHECKPOINT_H_

#include <string>
#include <vector>

#include "hlt/tape.h"

namespace hlt {

// Versioned binary parameter blob: magic, version, then (name, rows, cols,
// raw little-endian doubles) per tensor. Round-trips bit-exactly.
void save_params(const std::string& path, const std::vector<const Param*>& params);

// Loads into an existing parameter list; names and shapes must match the
// file contents exactly (order included).
void load_params(const std::string& path, const std::vector<Param*>& params);

// FNV-1a over the raw bytes of all parameter values, for frozen-purity checks.
std::uint64_t params_checksum(const std::vector<const Param*>& params);

}  // namespace hlt

#endif  // HLT_CHECKPOINT_H_
