#pragma once

#include "mixfourier/fourier.hpp"
#include "mixfourier/spectral.hpp"
#include "mixfourier/svr.hpp"

// Single-threaded reference kernels. They share the chunked accumulation
// order of the parallel versions, so results must match bit for bit; tests
// and the benchmark target compare the two.
namespace mixfourier::ref {

FourierData ecf(const SampleSet& samples, const FourierGrid& grid);

SvrSurface svr_surface(const FourierData& data, const std::vector<double>& candidates);

MusicSpectrum music_spectrum(const FourierData& data, double u, int k,
                             std::size_t resolution = 4096);

}  // namespace mixfourier::ref
