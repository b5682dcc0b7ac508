#pragma once

#include <string>
#include <variant>

#include "mobius/io.hpp"

namespace fx {

inline std::string path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

template <class Cat>
mobius::PosetModule<Cat> load(const std::string& name) {
  return std::get<mobius::PosetModule<Cat>>(mobius::io::parse_module(mobius::io::read_json_file(path(name))).module);
}

inline std::vector<mobius::VecObject> dims(std::initializer_list<std::size_t> d) {
  std::vector<mobius::VecObject> out;
  for (auto v : d) out.push_back(mobius::VecObject{v});
  return out;
}

}  // namespace fx
