#pragma once

#include <ostream>

#include <json.hpp>

#include "lomse/barriers.hpp"
#include "lomse/dirichlet.hpp"
#include "lomse/dynamics.hpp"
#include "lomse/geometry.hpp"
#include "lomse/hopf.hpp"
#include "lomse/params.hpp"

namespace lomse {

using Json = nlohmann::ordered_json;

Json to_json(const LomseParams& params);
Json to_json(const SpectralData& spec);
Json to_json(const GeometryReport& geo);
Json to_json(const BarrierCertificate& cert);
Json to_json(const DirichletReport& rep);
Json to_json(const DensityReport& rep);
Json to_json(const OscillationRecord& rec);
Json to_json(const HopfReport& rep);
/// Events and terminal status; the samples go to CSV.
Json orbit_summary(const Orbit& orbit);

/// Header "t,phi,psi".
void write_orbit_csv(std::ostream& os, const Orbit& orbit);
/// Header "r,rho,rho_r,residual".
void write_profile_csv(std::ostream& os, const Profile& profile);

}  // namespace lomse
