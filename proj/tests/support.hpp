#pragma once

#include <memory>
#include <rankcodes/gabidulin.hpp>

namespace testing {

inline rankcodes::TowerPtr tower(std::uint32_t q, int n,
                                 rankcodes::Arithmetic mode = rankcodes::Arithmetic::Automatic) {
    return std::make_shared<const rankcodes::FieldTower>(q, n, mode);
}

// a^e for the class a of x.
inline rankcodes::Fqn alpha_pow(const rankcodes::FieldTower& f, std::uint64_t e) {
    return f.pow(f.generator(), e);
}

}  // namespace testing
