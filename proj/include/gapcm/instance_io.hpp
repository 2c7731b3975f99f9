#ifndef GAPCM_INSTANCE_IO_HPP
#define GAPCM_INSTANCE_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "gapcm/core.hpp"

namespace gapcm {

// Instance file:
//   {"bottom": [{"id": int, "kind": "real"|"dummy"}...], "top": [...],
//    "edges": [[bottom_id, top_id]...], "pi1": [bottom_id...]}
// Permutation file:
//   {"order": [top_id...]}
//
// Writers emit keys in the order above and end the text with a newline.
// Readers accept any key order. All parse failures throw InputError.

std::string instance_to_json(const BipartiteInstance& inst);
BipartiteInstance instance_from_json(std::string_view text);

std::string permutation_to_json(const Permutation& pi);
Permutation permutation_from_json(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
/// Throws InputError when the file cannot be written.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace gapcm

#endif  // GAPCM_INSTANCE_IO_HPP
