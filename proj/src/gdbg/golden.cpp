#include "dynopt/gdbg/instance.hpp"

#include "dynopt/core/format.hpp"

namespace dynopt::gdbg {

void write_golden_trajectory(GdbgInstance& inst, std::uint64_t changes, std::ostream& out)
{
    for (std::uint64_t t = 0;; ++t) {
        for (const auto& [name, value] : inst.parameter_snapshot())
            out << inst.change_index() << ',' << name << ',' << format_roundtrip(value) << '\n';
        if (t == changes)
            break;
        inst.advance_environment();
    }
}

} // namespace dynopt::gdbg
