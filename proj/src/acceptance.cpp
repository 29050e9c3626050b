namespace qcrit {
}
