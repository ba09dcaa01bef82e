	// listener registration helpers
	// validation happens before the listener is stored
	// keep these comments in sync with the docs
	// (reviewed)
	public void addListener(O obj) {
		runCheck(obj);
		Listeners.add(obj.getListener());
	}
	public void runCheck(O obj) {
		obj.notNull();
		obj.validate();
	}
}
