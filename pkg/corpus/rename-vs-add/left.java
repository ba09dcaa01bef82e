public void doMonkeyBusiness() {
    enabledChaosTypes = Lists.newArrayList();
    enabledChaosTypes.add(new ShutdownInstanceChaosType(cfg));
    enabledChaosTypes.add(new DetachVolumesChaosType(cfg));
}
