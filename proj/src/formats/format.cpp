#include "spmvsel/formats.hpp"

#include "spmvsel/error.hpp"

namespace spmvsel {

std::string_view format_name(FormatTag tag) noexcept {
    switch (tag) {
    case FormatTag::Csr: return "csr";
    case FormatTag::Csr5: return "csr5";
    case FormatTag::Ell: return "ell";
    case FormatTag::Sell: return "sell";
    case FormatTag::Hyb: return "hyb";
    }
    return "?";
}

std::optional<FormatTag> parse_format(std::string_view name) noexcept {
    for (auto tag : kAllFormats)
        if (format_name(tag) == name)
            return tag;
    return std::nullopt;
}

FormatTag tag_of(const FormatMatrix& m) noexcept {
    return static_cast<FormatTag>(m.index());
}

FormatMatrix convert(const CooMatrix& a, FormatTag tag, const FormatParams& params) {
    switch (tag) {
    case FormatTag::Csr: return to_csr(a);
    case FormatTag::Csr5: return to_csr5(a, params.csr5_omega, params.csr5_sigma);
    case FormatTag::Ell: return to_ell(a);
    case FormatTag::Sell: return to_sell(a, params.sell_c, params.sell_sigma);
    case FormatTag::Hyb: return to_hyb(a);
    }
    throw InvalidArgument("convert: unknown format tag");
}

CooMatrix to_coo(const FormatMatrix& m) {
    return std::visit([](const auto& f) { return to_coo(f); }, m);
}

} // namespace spmvsel
