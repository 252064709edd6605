#include "micropolar/spectral_field.hpp"

#include <stdexcept>
#include <string>

#include "micropolar/errors.hpp"

namespace micropolar {

SpectralField::SpectralField(GridPtr grid, Rank rank, int band)
    : grid_(std::move(grid)), rank_(rank), band_(band) {
  if (!grid_) throw ConfigError("spectral field needs a grid");
  if (band < 0 || band > grid_->capacity())
    throw ConfigError("band " + std::to_string(band) + " exceeds grid capacity " +
                      std::to_string(grid_->capacity()));
  stride_ = grid_->spectral_size();
  data_.assign(stride_ * static_cast<std::size_t>(components()), cplx{});
}

std::span<cplx> SpectralField::component(int c) {
  return {data_.data() + static_cast<std::size_t>(c) * stride_, stride_};
}

std::span<const cplx> SpectralField::component(int c) const {
  return {data_.data() + static_cast<std::size_t>(c) * stride_, stride_};
}

void SpectralField::widen_band(int band) {
  if (band > grid_->capacity()) throw ConfigError("band exceeds grid capacity");
  if (band > band_) band_ = band;
}

bool SpectralField::same_shape(const SpectralField& o) const {
  return grid_ == o.grid_ && rank_ == o.rank_;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) { return axpy(1.0, o); }

SpectralField& SpectralField::operator-=(const SpectralField& o) { return axpy(-1.0, o); }

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : data_) c *= s;
  return *this;
}

SpectralField& SpectralField::axpy(double s, const SpectralField& o) {
  if (!same_shape(o)) throw std::invalid_argument("field shape mismatch");
  band_ = std::max(band_, o.band_);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * o.data_[i];
  return *this;
}

PhysicalField::PhysicalField(GridPtr grid, Rank rank)
    : PhysicalField(std::move(grid), micropolar::components(rank)) {}

PhysicalField::PhysicalField(GridPtr grid, int ncomp) : grid_(std::move(grid)), ncomp_(ncomp) {
  if (!grid_) throw ConfigError("physical field needs a grid");
  stride_ = grid_->physical_size();
  data_.assign(stride_ * static_cast<std::size_t>(ncomp_), 0.0);
}

}  // namespace micropolar
