float x;

float get_rms(int rows) {
  if (rows == 0)
    return 0;
  float criterion = 0;
  for (int i = 0; i < rows; ++i) {
    float residual = residual_at(i);
    criterion += weight_at(i) * residual * residual;
  }
  return sqrt(criterion / rows);
}

float get_chi_square(int rows) {
  float chi_sq = 0;
  float chi_sq_half = 0;
  for (int i = 0; i < rows; ++i) {
    float residual = residual_at(i);
    chi_sq_half = residual * residual;
    x = chi_sq_half;
    chi_sq += weight_at(i) * residual * residual;
  }
  x = chi_sq_half;
  return chi_sq;
}
